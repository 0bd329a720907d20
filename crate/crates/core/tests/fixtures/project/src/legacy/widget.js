import React from 'react';

export class Widget extends React.Component {
  render() {
    return <div className="widget">{this.props.children}</div>;
  }
}
